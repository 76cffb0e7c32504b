#include "subwave/cli.hpp"

int main(int argc, char** argv) { return subwave::cli::run(argc, argv); }
