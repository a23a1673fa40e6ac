#include <iostream>

#include "srpl/acceptance.hpp"

int main() { return srpl::run_acceptance(std::cout) ? 0 : 1; }
