#include "hexext/cli/app.hpp"

int main(int argc, char** argv) { return hexext::cli::run_main(argc, argv); }
