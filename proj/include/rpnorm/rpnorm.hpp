#ifndef RPNORM_RPNORM_HPP_
#define RPNORM_RPNORM_HPP_

#include "rpnorm/concentration.hpp"
#include "rpnorm/empirical_stats.hpp"
#include "rpnorm/entry_laws.hpp"
#include "rpnorm/errors.hpp"
#include "rpnorm/exact_oracle.hpp"
#include "rpnorm/experiments.hpp"
#include "rpnorm/format.hpp"
#include "rpnorm/moments.hpp"
#include "rpnorm/parallel.hpp"
#include "rpnorm/random.hpp"
#include "rpnorm/rational.hpp"
#include "rpnorm/report_io.hpp"
#include "rpnorm/sketch.hpp"

#endif  // RPNORM_RPNORM_HPP_
