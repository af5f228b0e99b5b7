#pragma once

#include "dercomb/errors.hpp"
#include "dercomb/label.hpp"
#include "dercomb/fincat.hpp"
#include "dercomb/ordcalc.hpp"
#include "dercomb/simplicial.hpp"
#include "dercomb/grothendieck.hpp"
#include "dercomb/paperlib.hpp"
#include "dercomb/corpus.hpp"
