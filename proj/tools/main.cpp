#include "cli_app.hpp"

int main(int argc, char** argv) { return compsep::cli::run(argc, argv); }
