#pragma once

#include "fomc/assignment.hpp"
#include "fomc/bench.hpp"
#include "fomc/bottom_up.hpp"
#include "fomc/brute.hpp"
#include "fomc/digraph.hpp"
#include "fomc/dnc.hpp"
#include "fomc/eliminate.hpp"
#include "fomc/error.hpp"
#include "fomc/evaluate.hpp"
#include "fomc/formula.hpp"
#include "fomc/generators.hpp"
#include "fomc/meter.hpp"
#include "fomc/metrics.hpp"
#include "fomc/reach.hpp"
#include "fomc/reductions.hpp"
#include "fomc/report.hpp"
#include "fomc/rewrite.hpp"
#include "fomc/semantics.hpp"
#include "fomc/sigma_t.hpp"
#include "fomc/structure.hpp"
#include "fomc/textio.hpp"
#include "fomc/vocabulary.hpp"
