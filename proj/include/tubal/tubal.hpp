#pragma once

// Umbrella header for the tubal library: t-product tensor algebra,
// frequency-domain factorizations, loss models, synthetic problems, and
// the APGD / ScaledGD / FGD solver family.

#include "tubal/bcirc.hpp"
#include "tubal/diagnostics.hpp"
#include "tubal/errors.hpp"
#include "tubal/factor_pair.hpp"
#include "tubal/freq.hpp"
#include "tubal/init.hpp"
#include "tubal/io.hpp"
#include "tubal/loss.hpp"
#include "tubal/measurement.hpp"
#include "tubal/ops.hpp"
#include "tubal/rng.hpp"
#include "tubal/solve.hpp"
#include "tubal/synth.hpp"
#include "tubal/tensor3.hpp"
#include "tubal/tlinalg.hpp"
