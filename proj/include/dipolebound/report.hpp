#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dipolebound/frobenius.hpp"
#include "dipolebound/mass_spectra.hpp"
#include "dipolebound/spectral_oracle.hpp"
#include "dipolebound/validation.hpp"

namespace dipolebound {

// Every renderer is a pure function of its input: rows come out in a fixed
// order and numbers use fixed significant-digit formatting, so repeated runs
// are byte-identical. Series coefficients use 17 significant digits, all
// other reals 12.

enum class Format { Csv, Json, Text };

std::optional<Format> format_from_string(const std::string& name);

/// 12 significant digits.
std::string format_number(double value);
/// 17 significant digits, enough to round-trip a double.
std::string format_exact(long double value);

struct TerminationRecord {
  double s = 0.0;
  int m_q = 0;
  int nu = 0;
  double eta = 0.0;
  std::optional<double> beta;  // case C input
  TerminationVerdict verdict;
  std::optional<double> b_next;
  std::optional<double> b_next2;
};

std::string render(const std::vector<MassSpectrum>& spectra, Format format);
std::string render(const SeriesSolution& solution, Format format);
std::string render(const TerminationRecord& record, Format format);
std::string render(const NoBoundStateReport& report, Format format);
std::string render(const std::vector<ScanRow>& rows, Format format);
std::string render(const std::vector<MismatchSample>& samples, Format format);
std::string render(const ValidationReport& report, Format format);

/// Scan rows for a single potential: one per cutoff in the trace, or one for
/// the grid itself when no cutoff scan was run.
std::vector<ScanRow> scan_rows(const PotentialSpec& spec, const EigenScanResult& result);
/// Spectrum summary including the lowest eigenvalues (text and JSON only
/// add the eigenvalue list; CSV is the scan-row table).
std::string render(const PotentialSpec& spec, const EigenScanResult& result, Format format);

/// Writes `content` to `destination`, or standard output when empty. Throws
/// IoError when the destination cannot be written.
void emit_report(const std::string& content, const std::optional<std::filesystem::path>& destination);

}  // namespace dipolebound
