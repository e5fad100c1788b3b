#pragma once

#include "qillum/chernoff.hpp"
#include "qillum/correlations.hpp"
#include "qillum/erfc.hpp"
#include "qillum/error.hpp"
#include "qillum/fock_linalg.hpp"
#include "qillum/montecarlo.hpp"
#include "qillum/params.hpp"
#include "qillum/probe_states.hpp"
#include "qillum/receivers.hpp"
#include "qillum/rng.hpp"
