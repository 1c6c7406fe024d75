#include "cli.hpp"

int main(int argc, char** argv) { return supercap::cli::run(argc, argv); }
