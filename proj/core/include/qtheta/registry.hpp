#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <qtheta/identity.hpp>

namespace qtheta {

struct RegistryEntry {
    std::string id;
    IdentityDoc doc;
    std::string paper_label;
    std::string category; // lemma, theorem, proof-intermediate, factor-expansion, numeric
    std::string source;   // identity-language text as shipped
};

/// Version of the built-in corpus.
std::string_view registry_version();

/// Built-in entries sorted by id; an unknown category yields nothing.
std::vector<RegistryEntry> list_entries(const std::optional<std::string> &category = std::nullopt);

/// Throws not_found_error for an unknown id.
const RegistryEntry &get_entry(std::string_view id);

} // namespace qtheta
