#include "cli.hpp"

int main(int argc, char** argv) { return smallsphere::cli::run_main(argc, argv); }
