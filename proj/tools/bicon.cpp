#include "bicon/cli.hpp"

int main(int argc, char **argv) { return bicon::cli::main(argc, argv); }
