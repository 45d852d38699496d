#include "cli.hpp"

int main(int argc, char** argv) { return infomeasures::cli::run(argc, argv); }
