#pragma once

// Path (GLMY) homology of acyclic digraphs through the embedded chain
// complex, with an exact Ω-complex oracle and a classical simulation of the
// quantum Betti-number estimator.

#include "glmy/chain_complex.hpp"
#include "glmy/digraph.hpp"
#include "glmy/errors.hpp"
#include "glmy/matrix.hpp"
#include "glmy/oracle.hpp"
#include "glmy/paths.hpp"
#include "glmy/qsim.hpp"
#include "glmy/rational.hpp"
#include "glmy/report.hpp"
#include "glmy/spectral.hpp"
