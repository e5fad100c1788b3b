#include "qillum/cli/app.hpp"

int main(int argc, char** argv) { return qillum::cli::run_cli(argc, argv); }
