#pragma once

#include "toricbott/error.hpp"
#include "toricbott/exactmath.hpp"
#include "toricbott/fan.hpp"
#include "toricbott/divisors.hpp"
#include "toricbott/danilov.hpp"
#include "toricbott/certifier.hpp"
#include "toricbott/counterexample.hpp"
#include "toricbott/io.hpp"
#include "toricbott/suite.hpp"
