#pragma once

#include "idsym/decompose.hpp"
#include "idsym/errors.hpp"
#include "idsym/families.hpp"
#include "idsym/halmos.hpp"
#include "idsym/idempotent.hpp"
#include "idsym/linalg.hpp"
#include "idsym/matrix_io.hpp"
#include "idsym/report.hpp"
#include "idsym/verify.hpp"
