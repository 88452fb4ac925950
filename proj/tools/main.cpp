#include "cli.hpp"

int main(int argc, char** argv) { return kneading::cli::run(argc, argv); }
