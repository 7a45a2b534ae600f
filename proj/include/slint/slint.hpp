#pragma once

#include "slint/axioms.hpp"
#include "slint/beth.hpp"
#include "slint/el.hpp"
#include "slint/errors.hpp"
#include "slint/formats.hpp"
#include "slint/interp.hpp"
#include "slint/locality.hpp"
#include "slint/sharing.hpp"
#include "slint/slat.hpp"
#include "slint/syntax.hpp"
#include "slint/terms.hpp"
