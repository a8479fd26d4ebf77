#include "noonlith/cli/app.hpp"

int main(int argc, char** argv) { return noonlith::cli::run(argc, argv); }
