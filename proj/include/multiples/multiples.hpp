#pragma once

#include "multiples/circuit.hpp"
#include "multiples/grover.hpp"
#include "multiples/oracle.hpp"
#include "multiples/qasm.hpp"
#include "multiples/qft_arithmetic.hpp"
#include "multiples/statevector.hpp"
#include "multiples/transpile.hpp"
