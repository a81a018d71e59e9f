#ifndef MERGEINS_MERGEINS_HPP
#define MERGEINS_MERGEINS_HPP

#include "binary_insertion.hpp"
#include "bounds.hpp"
#include "exact_analysis.hpp"
#include "experiment.hpp"
#include "merge_insertion.hpp"
#include "pos_sequence.hpp"
#include "probability.hpp"
#include "rational.hpp"
#include "reports.hpp"
#include "schedule.hpp"

#endif // MERGEINS_MERGEINS_HPP
