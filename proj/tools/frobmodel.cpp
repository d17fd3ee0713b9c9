#include "frobmodel/cli.hpp"

int main(int argc, char** argv) { return frobmodel::cli::run(argc, argv); }
