#pragma once

#include "audit_log.hpp"
#include "bytes.hpp"
#include "errors.hpp"
#include "gf16.hpp"
#include "hash_to_field.hpp"
#include "keccak.hpp"
#include "ledger.hpp"
#include "linalg.hpp"
#include "rng.hpp"
#include "sanitizable.hpp"
#include "uov.hpp"
