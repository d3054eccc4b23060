#pragma once

#include "synkernel/syntomic.hpp"

#include <nlohmann/json.hpp>

#include <map>
#include <stdexcept>
#include <string>

namespace synkernel::cli {

using json = nlohmann::json;

/// A failure while reading a document, located by a JSON pointer.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string pointer, const std::string& message)
        : std::runtime_error(pointer + ": " + message), pointer_(std::move(pointer)), message_(message) {}
    const std::string& pointer() const { return pointer_; }
    const std::string& message() const { return message_; }

private:
    std::string pointer_;
    std::string message_;
};

struct NamedChainMap {
    std::string source, target;
    MFChainMap map;
};

struct Workspace {
    TowerPtr tower;
    std::map<std::string, FilteredPhiNModule> modules;
    std::map<std::string, std::vector<Matrix>> oracles;  ///< user sub-objects per module (K0-bases)
    std::map<std::string, MFComplex> complexes;
    std::map<std::string, PadicHodgeComplex> phcs;
    std::map<std::string, MFDoubleComplex> double_complexes;
    std::map<std::string, NamedChainMap> chain_maps;
};

/// Parses and validates a document. Throws ParseError.
Workspace parse_workspace(const json& doc);
Workspace parse_workspace_text(const std::string& text);
/// Canonical form: every object written out explicitly.
json emit_workspace(const Workspace& w);

json emit_tower(const CoefficientTower& t);
json emit_module(const FilteredPhiNModule& m);
json emit_complex(const MFComplex& c);
json emit_phc(const PadicHodgeComplex& m);
json emit_double_complex(const MFDoubleComplex& dc);

json emit_rational(const Rational& q);
json emit_matrix(const Matrix& m);

}  // namespace synkernel::cli
