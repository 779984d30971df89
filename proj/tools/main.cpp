#include "graphband/harness.hpp"

int main(int argc, char** argv) { return graphband::cli_main(argc, argv); }
