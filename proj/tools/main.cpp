#include "srpl/cli.hpp"

int main(int argc, char** argv) { return srpl::run_cli(argc, argv); }
