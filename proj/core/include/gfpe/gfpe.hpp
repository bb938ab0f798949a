#pragma once

#include "gfpe/analysis.hpp"
#include "gfpe/bigint.hpp"
#include "gfpe/catalog.hpp"
#include "gfpe/charset.hpp"
#include "gfpe/cipher.hpp"
#include "gfpe/dsl.hpp"
#include "gfpe/error.hpp"
#include "gfpe/format.hpp"
#include "gfpe/int_fpe.hpp"
#include "gfpe/rank.hpp"
#include "gfpe/split.hpp"
#include "gfpe/tabular.hpp"
#include "gfpe/utf8.hpp"
