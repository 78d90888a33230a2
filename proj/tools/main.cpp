#include "cli_app.hpp"

int main(int argc, char** argv) { return scatgen::cli::run_cli(argc, argv); }
