#include "doctest.h"

TEST_SUITE("profile") {}
