#include "shannon/cli.hpp"

int main(int argc, char** argv) { return shannon::cli::run(argc, argv); }
