#pragma once

#include <doctest.h>

#include "seqvote/error.hpp"

#define CHECK_ERROR_CODE(expr, expected)                          \
  do {                                                            \
    bool thrown_ = false;                                         \
    try {                                                         \
      (void)(expr);                                               \
    } catch (const ::seqvote::Error& e_) {                        \
      thrown_ = true;                                             \
      CHECK_MESSAGE(e_.code() == (expected), e_.what());          \
    }                                                             \
    CHECK_MESSAGE(thrown_, "expected an error from " #expr);      \
  } while (0)
