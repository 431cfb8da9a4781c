// Amalgamated Catch2 v3 translation unit; supplies the test runner main.
#include <catch2/catch_amalgamated.cpp>
