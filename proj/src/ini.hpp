#pragma once

#include <string>

#include <boost/property_tree/ptree.hpp>

namespace subprof::detail {

// ptree::get(path, default) falls back to the default on unparsable values;
// this one falls back only when the key is absent and throws ptree_bad_data
// otherwise.
template <class T>
T setting(const boost::property_tree::ptree& tree, const std::string& path, const T& fallback) {
    if (!tree.get_child_optional(path)) return fallback;
    return tree.get<T>(path);
}

}  // namespace subprof::detail
