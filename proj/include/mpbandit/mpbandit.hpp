#pragma once

#include "mpbandit/assignment.hpp"
#include "mpbandit/baselines.hpp"
#include "mpbandit/bounds.hpp"
#include "mpbandit/csv.hpp"
#include "mpbandit/dep_round.hpp"
#include "mpbandit/environments.hpp"
#include "mpbandit/error.hpp"
#include "mpbandit/exp3m_vp.hpp"
#include "mpbandit/game.hpp"
#include "mpbandit/hedge.hpp"
#include "mpbandit/intrusion_trace.hpp"
#include "mpbandit/learners.hpp"
#include "mpbandit/parallel.hpp"
#include "mpbandit/plot_data.hpp"
#include "mpbandit/random.hpp"
#include "mpbandit/regret.hpp"
#include "mpbandit/scaling.hpp"
#include "mpbandit/simulation.hpp"
#include "mpbandit/weights.hpp"
