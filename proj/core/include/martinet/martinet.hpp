#pragma once

#include "martinet/classify.hpp"
#include "martinet/dynamics.hpp"
#include "martinet/error.hpp"
#include "martinet/jet.hpp"
#include "martinet/jet_io.hpp"
#include "martinet/mufields.hpp"
#include "martinet/polynomial.hpp"
#include "martinet/roots.hpp"
#include "martinet/scalar.hpp"
#include "martinet/unfold.hpp"
