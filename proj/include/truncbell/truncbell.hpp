#pragma once

#include <truncbell/checks.hpp>
#include <truncbell/degenerate_series.hpp>
#include <truncbell/exactnum.hpp>
#include <truncbell/fps.hpp>
#include <truncbell/numeric.hpp>
#include <truncbell/poly.hpp>
#include <truncbell/rational.hpp>
#include <truncbell/sequences.hpp>
#include <truncbell/suite.hpp>
#include <truncbell/table_io.hpp>
#include <truncbell/verdict.hpp>
