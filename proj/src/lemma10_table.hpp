#pragma once

#include <vector>

#include "adhoc/cutset.hpp"

// generated by regen_lemma10_constants; do not edit by hand
namespace adhoc::detail {

inline const std::vector<Lemma10Constants> kLemma10Table = {
    {2, 7.7693247128379026, 0.23892060731221548},
    {2.5, 11.424777960769379, 0.20328520143850229},
    {3, 8.2831853071795862, 0.1745151646909594},
    {4, 6.7123889803846897, 0.13193178993083055},
};

}  // namespace adhoc::detail
