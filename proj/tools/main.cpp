#include "ptsim/harness.hpp"

int main(int argc, char** argv) { return ptsim::cli_main(argc, argv); }
