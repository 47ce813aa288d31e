#include "cli_commands.hpp"

int main(int argc, char** argv) { return tetfield::cli::run(argc, argv); }
