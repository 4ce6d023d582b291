#include "doctest.h"

TEST_SUITE("config_io") {}
