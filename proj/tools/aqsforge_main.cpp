#include "aqsforge/commands.hpp"

int main(int argc, char** argv) { return aqsforge::cli::run_cli(argc, argv); }
