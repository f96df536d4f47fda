#include "skyshare/cli.hpp"

int main(int argc, char** argv) { return skyshare::cli::run_cli(argc, argv); }
