#pragma once
// CSV readers/writers for the array types and JSON encoders for reports.
// Numbers are written with 17 significant digits, so write -> read is exact.

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "xrt/bukhgeim.hpp"
#include "xrt/forward.hpp"
#include "xrt/gghl.hpp"
#include "xrt/lattice.hpp"
#include "xrt/range.hpp"
#include "xrt/reconstruct.hpp"

namespace xrt {

/// Malformed input or a failed read/write.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void write_grid(std::ostream& os, const TorusGrid& g);
TorusGrid read_grid(std::istream& is);

/// Zero entries are omitted.
void write_lattice(std::ostream& os, const FourierLattice& L);
FourierLattice read_lattice(std::istream& is);

/// Spectrum rows; n_samples is not stored, so reads resynthesize on n_samples nodes.
void write_modeseq(std::ostream& os, const BoundaryModeSequence& s);
BoundaryModeSequence read_modeseq(std::istream& is, int n_samples = 0);

/// In-disc nodes only.
void write_density(std::ostream& os, const DensityGrid& f);
DensityGrid read_density(std::istream& is);

void write_moments(std::ostream& os, const MomentTable& t);
MomentTable read_moments(std::istream& is);

/// First line of a CSV file without the leading "# ", e.g. "lattice".
std::string sniff_format(const std::filesystem::path& path);

// File wrappers; throw IoError when the file cannot be opened.
void save_grid(const std::filesystem::path& p, const TorusGrid& g);
TorusGrid load_grid(const std::filesystem::path& p);
void save_lattice(const std::filesystem::path& p, const FourierLattice& L);
FourierLattice load_lattice(const std::filesystem::path& p);
void save_modeseq(const std::filesystem::path& p, const BoundaryModeSequence& s);
BoundaryModeSequence load_modeseq(const std::filesystem::path& p, int n_samples = 0);
void save_density(const std::filesystem::path& p, const DensityGrid& f);
DensityGrid load_density(const std::filesystem::path& p);
void save_moments(const std::filesystem::path& p, const MomentTable& t);
MomentTable load_moments(const std::filesystem::path& p);
void save_json(const std::filesystem::path& p, const nlohmann::ordered_json& j);

nlohmann::ordered_json to_json(const ConditionReport& r);
nlohmann::ordered_json to_json(const std::vector<ConditionReport>& rs);
nlohmann::ordered_json to_json(const ReprojectionStats& s);
nlohmann::ordered_json to_json(const TransportResidual& r);
nlohmann::ordered_json to_json(const EquivalenceReport& r);

}  // namespace xrt
