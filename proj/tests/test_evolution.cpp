#include "doctest.h"

TEST_SUITE("evolution") {}
