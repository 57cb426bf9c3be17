#ifndef MWDIFF_MWDIFF_HPP
#define MWDIFF_MWDIFF_HPP

#include "mwdiff/comparison.hpp"
#include "mwdiff/constants.hpp"
#include "mwdiff/diffraction.hpp"
#include "mwdiff/errors.hpp"
#include "mwdiff/gaussian_analytics.hpp"
#include "mwdiff/quadrature.hpp"
#include "mwdiff/run.hpp"
#include "mwdiff/scenario.hpp"
#include "mwdiff/wavepacket.hpp"

#endif
