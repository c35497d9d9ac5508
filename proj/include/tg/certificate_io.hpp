#pragma once

#include "tg/witness.hpp"

namespace tg {

class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Canonical structured text form; parse(serialize(..)) round-trips byte-exactly.
std::string serialize_certificate(const Certificate& c, const Triple& t1, const Triple& t2);

struct ParsedCertificate {
    Triple left;
    Triple right;
    Certificate cert;
};

ParsedCertificate parse_certificate(const std::string& text);

/// Human-readable narrative (same numeric content as the structured form).
std::string describe_certificate(const Certificate& c, const Triple& t1, const Triple& t2);

std::string group_spec_to_string(const GroupSpec& g);
GroupSpec group_spec_from_string(const std::string& s);

}  // namespace tg
