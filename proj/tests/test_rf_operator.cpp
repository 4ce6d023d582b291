#include "doctest.h"

TEST_SUITE("rf_operator") {}
