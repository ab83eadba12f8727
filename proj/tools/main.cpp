#include "commands.hpp"

int main(int argc, char** argv) { return mixcert::cli::run(argc, argv); }
