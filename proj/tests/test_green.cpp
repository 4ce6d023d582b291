#include "doctest.h"

TEST_SUITE("green") {}
