#ifndef PHOTOFOURIER_PHOTOFOURIER_HPP
#define PHOTOFOURIER_PHOTOFOURIER_HPP

#include "photofourier/archmodel.hpp"
#include "photofourier/errors.hpp"
#include "photofourier/fidelity.hpp"
#include "photofourier/optics.hpp"
#include "photofourier/presets.hpp"
#include "photofourier/report.hpp"
#include "photofourier/signal.hpp"
#include "photofourier/tiling.hpp"
#include "photofourier/workloads.hpp"

#endif
