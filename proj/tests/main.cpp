// Part of erestab. MIT license; see LICENSE at the repository root.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
