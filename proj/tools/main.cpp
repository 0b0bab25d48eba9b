#include "cli.hpp"

int main(int argc, char** argv) { return cabdm::cli::run(argc, argv); }
