#ifndef BALLGROW_BALLGROW_HPP
#define BALLGROW_BALLGROW_HPP

#include "random.hpp"
#include "geometry.hpp"
#include "dataset.hpp"
#include "io.hpp"
#include "summary.hpp"
#include "solver.hpp"
#include "oracle.hpp"
#include "metrics.hpp"
#include "distributed.hpp"

#endif  // BALLGROW_BALLGROW_HPP
