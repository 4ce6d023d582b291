#include "doctest.h"

TEST_SUITE("fourier") {}
