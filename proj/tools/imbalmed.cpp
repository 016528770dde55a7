#include "imbalmed/cli.hpp"

int main(int argc, char** argv) { return imbalmed::cli::run(argc, argv); }
