#include "cli.hpp"

int main(int argc, char** argv) { return skewtent::cli::run(argc, argv); }
