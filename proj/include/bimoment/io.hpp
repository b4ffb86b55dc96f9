#ifndef BIMOMENT_IO_HPP
#define BIMOMENT_IO_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bimoment/model.hpp"
#include "bimoment/transforms.hpp"

namespace bimoment {

/// Malformed or inconsistent input. The message starts with "source:line:"
/// when a line is known.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Pmf document: {"m": int, "n": int, "p": [[ "a/b" | "0.25" | int, ... ], ...]},
/// rows indexed by u.
JointPMF parse_pmf_json(std::string_view text, const std::string& source);

/// Moment document: {"m", "n", "s": [[...]]} with optional "kmax", "lmax"
/// for an order-limited matrix.
MomentMatrix parse_moments_json(std::string_view text, const std::string& source);

/// Event CSV: header "weight,A1,..,Am,B1,..,Bn", one row per atom, 0/1 cells.
EventSystem parse_event_csv(std::string_view text, const std::string& source);

/// Whatever an input file described, reduced to moments, plus the law when it
/// is known directly.
struct LoadedInput {
  std::string source;
  std::optional<JointPMF> pmf;
  std::optional<EventSystem> events;
  MomentMatrix moments;
};

/// Dispatches on content: ".csv" files are event systems; JSON with "p" is a
/// pmf, with "s" a moment matrix.
LoadedInput load_input(const std::string& path);

/// Canonical JSON rendering of an (rows x cols) grid under `key`.
std::string grid_json(int m, int n, std::string_view key, int rows, int cols, const std::vector<Rational>& values,
                      const std::vector<std::pair<std::string, std::string>>& extra = {});

std::string to_json(const JointPMF& pmf);
std::string to_json(const MomentMatrix& mm);
std::string to_json(const TailTable& tt);

}  // namespace bimoment

#endif  // BIMOMENT_IO_HPP
