#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "lowdeg/collision.hpp"
#include "lowdeg/competitor.hpp"
#include "lowdeg/determinacy.hpp"
#include "lowdeg/transform.hpp"

namespace lowdeg {

enum class Format { Text, Csv, Json };

Format parse_format(std::string_view name);

std::string format_spectrum(const Spectrum& s, Format fmt);
// Accepts any of the three spectrum layouts produced above.
Spectrum parse_spectrum(std::string_view text);

std::string format_certificate(const UniquenessCertificate& c, Format fmt);
// Flat `key=value` lines in text mode.
std::string format_bounds(const BoundsReport& b, Format fmt);
std::string format_thresholds(int p, double omega, double eta, const Thresholds& t, Format fmt);

std::string format_witness(int p, int d, const std::optional<CollisionWitness>& w, std::optional<bool> exhaustive,
                           Format fmt);
std::string format_census(const CensusReport& r, Format fmt);
// `<idx1>,<idx2>` per line.
std::string format_census_pairs(const CensusReport& r);

// Text mode lists `mask num/den` per point.
std::string format_competitor(int p, int d, const CompetitorResult& r, Format fmt);
std::string format_sign_certificate(int p, int d, const std::optional<SignCertificate>& c, Format fmt);

std::string fraction(const mpq_class& q);

}  // namespace lowdeg
