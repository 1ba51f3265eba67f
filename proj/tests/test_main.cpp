#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include "bornforge/threads.hpp"

int main(int argc, char** argv) {
    bornforge::apply_thread_limit_from_env();
    return doctest::Context(argc, argv).run();
}
