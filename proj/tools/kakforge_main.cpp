#include "kakforge/cli.hpp"

int main(int argc, char** argv) { return kakforge::cli::run(argc, argv); }
