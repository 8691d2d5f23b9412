#pragma once

// Umbrella header: the whole engine.

#include <diffalg/cli.hpp>
#include <diffalg/differential.hpp>
#include <diffalg/errors.hpp>
#include <diffalg/expansion.hpp>
#include <diffalg/expr.hpp>
#include <diffalg/jet.hpp>
#include <diffalg/ode.hpp>
#include <diffalg/oracle.hpp>
#include <diffalg/parser.hpp>
#include <diffalg/polynomial.hpp>
#include <diffalg/rational.hpp>
#include <diffalg/rational_function.hpp>
#include <diffalg/univariate.hpp>
