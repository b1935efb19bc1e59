#include "degenwave/cli.hpp"

int main(int argc, char** argv) { return degenwave::cli_main(argc, argv); }
