#pragma once

#include "singlet/errors.hpp"
#include "singlet/linalg.hpp"
#include "singlet/random.hpp"
#include "singlet/nelder_mead.hpp"
#include "singlet/states.hpp"
#include "singlet/fidelity.hpp"
#include "singlet/filtering.hpp"
#include "singlet/bounds.hpp"
#include "singlet/report.hpp"
#include "singlet/sweep.hpp"
#include "singlet/verify.hpp"
#include "singlet/io.hpp"
