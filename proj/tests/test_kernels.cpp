#include "doctest.h"

TEST_SUITE("kernels") {}
