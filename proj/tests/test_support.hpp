#pragma once

#include <doctest.h>

#include "charfield/errors.hpp"

// Asserts that `expr` throws charfield::Error with the given code.
#define CHECK_ERRC(expr, errc)                                                                     \
    do {                                                                                           \
        bool caught_ = false;                                                                      \
        try {                                                                                      \
            (void)(expr);                                                                          \
        } catch (const charfield::Error& e_) {                                                     \
            caught_ = true;                                                                        \
            CHECK(e_.code() == (errc));                                                            \
        }                                                                                          \
        CHECK_MESSAGE(caught_, #expr " did not throw");                                            \
    } while (0)
