#include "aseplab/cli.hpp"

int main(int argc, char** argv) { return aseplab::cli::main_entry(argc, argv); }
