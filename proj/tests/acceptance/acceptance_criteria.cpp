#include "harness.hpp"
void register_criteria(acceptance::Harness&) {}
