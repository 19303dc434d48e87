#pragma once

#include "coherence/tolerances.hpp"
#include "coherence/errors.hpp"
#include "coherence/linalg.hpp"
#include "coherence/entropy.hpp"
#include "coherence/superpose.hpp"
#include "coherence/bounds.hpp"
#include "coherence/random.hpp"
#include "coherence/ensembles.hpp"
#include "coherence/nelder_mead.hpp"
#include "coherence/search.hpp"
