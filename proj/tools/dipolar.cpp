#include "dipolar/cli.hpp"

int main(int argc, char** argv) { return dipolar::cli::main_entry(argc, argv); }
