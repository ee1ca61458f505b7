#include "cli.hpp"

int main(int argc, char** argv) { return rbt::cli::run(argc, argv); }
