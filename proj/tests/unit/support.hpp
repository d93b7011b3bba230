#pragma once

#include "mra/algebra.hpp"
#include "mra/quiver.hpp"

#include <string>

namespace fixture {

inline std::string path(const std::string& name)
{
    return std::string(MRA_FIXTURE_DIR) + "/" + name;
}

inline mra::RewriteSystem system(const std::string& name, int cap = 30)
{
    return mra::complete_rewrite(mra::load_presentation(path(name)), cap);
}

inline mra::Algebra algebra(const std::string& name)
{
    return mra::structure_constants(system(name));
}

inline mra::Algebra from_text(const std::string& text, int cap = 30)
{
    return mra::structure_constants(mra::complete_rewrite(mra::parse_presentation(text), cap));
}

}  // namespace fixture
