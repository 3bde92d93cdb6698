#ifndef EXPNORMAL_EXPNORMAL_HPP
#define EXPNORMAL_EXPNORMAL_HPP

#include "expnormal/analytic.hpp"
#include "expnormal/batch.hpp"
#include "expnormal/cf_compare.hpp"
#include "expnormal/checks.hpp"
#include "expnormal/constants.hpp"
#include "expnormal/ks.hpp"
#include "expnormal/log_gamma.hpp"
#include "expnormal/random_stream.hpp"
#include "expnormal/report.hpp"
#include "expnormal/samplers.hpp"
#include "expnormal/suite.hpp"
#include "expnormal/truncation.hpp"
#include "expnormal/variates.hpp"

#endif  // EXPNORMAL_EXPNORMAL_HPP
