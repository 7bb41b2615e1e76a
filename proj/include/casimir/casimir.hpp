#pragma once

// Umbrella header: thermal Casimir pressure between metallic plane mirrors,
// computed three independent ways (real-frequency Lifshitz integral, standard
// and corrected Lifshitz-Matsubara sums), plus the complex-plane mode analysis
// (argument-principle counts, residues, Foucault-mode trajectories) that ties
// the routes together.

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "casimir/materials.hpp"
#include "casimir/cavity.hpp"
#include "casimir/quadrature.hpp"
#include "casimir/complexplane.hpp"
#include "casimir/spectral.hpp"
#include "casimir/pressure.hpp"
#include "casimir/io.hpp"
#include "casimir/runconfig.hpp"
