#pragma once

#include "qcode/design.hpp"
#include "qcode/equations.hpp"
#include "qcode/error.hpp"
#include "qcode/io.hpp"
#include "qcode/jchar.hpp"
#include "qcode/rational.hpp"
#include "qcode/search.hpp"
#include "qcode/theory.hpp"
#include "qcode/verify.hpp"
#include "qcode/z4.hpp"
