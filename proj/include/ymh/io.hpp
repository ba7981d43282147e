#pragma once

// Text formats shared by the CLI and tests.
//
// Field dump: a header line `degree n N_1..N_n L_1..L_n component_count`
// followed by the values, component-major and row-major over sites, printed
// with 17 significant digits. A complex section is a degree-0 dump with two
// components (real parts, then imaginary parts).

#include <iosfwd>
#include <string>
#include <vector>

#include "ymh/fields.hpp"
#include "ymh/vortex.hpp"

namespace ymh::io {

void write_cochain(std::ostream& os, const Cochain& c);
Cochain read_cochain(std::istream& is);

void write_section(std::ostream& os, const Section& u);
Section read_section(std::istream& is);

// `chern n` then n rows of integers, followed by the theta0 field dump.
void write_bundle(std::ostream& os, const BundleData& b);
BundleData read_bundle(std::istream& is);

// One `component site winding` triple per line for the nonzero windings.
void write_vorticity(std::ostream& os, const VorticityField& v);

// Flat `key value` record.
struct Record {
    std::vector<std::pair<std::string, std::string>> entries;
    void add(const std::string& key, double value);
    void add(const std::string& key, long value);
    void add(const std::string& key, const std::string& value);
};
void add_energy(Record& r, const EnergyBreakdown& e, const std::string& prefix = "");
void write_record(std::ostream& os, const Record& r);

std::string format_double(double v);

void write_file(const std::string& path, const std::string& contents);

}  // namespace ymh::io
