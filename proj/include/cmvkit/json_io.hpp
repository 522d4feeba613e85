#pragma once

// JSON and CSV serialization for schedules, operator windows, polynomial
// sequences, propagation output, and reports.  Complex numbers are stored as
// two-element arrays [re, im] in JSON and as re/im column pairs in CSV.

#include <string>
#include <vector>

#include <json.hpp>

#include "cmvkit/cmv.hpp"
#include "cmvkit/gz.hpp"
#include "cmvkit/measure.hpp"
#include "cmvkit/opuc.hpp"
#include "cmvkit/schedule.hpp"
#include "cmvkit/weyl.hpp"

namespace cmvkit {

using nlohmann::json;

json complex_to_json(cplx value);
cplx complex_from_json(const json& j);

const char* boundary_name(BoundaryMode boundary);
BoundaryMode boundary_from_name(const std::string& name);

// Schedule files: {"lo": int, "alpha": [[re,im],...], "zeta": [[re,im],...]?,
// "half_lattice": bool?}.  A schedule with lo == 0 is half-lattice unless the
// flag says otherwise; lo != 0 must not claim half-lattice.
json schedule_to_json(const CoefficientSchedule& s);
CoefficientSchedule schedule_from_json(const json& j);
CoefficientSchedule load_schedule(const std::string& path);

json poly_to_json(const ComplexPoly& p);
ComplexPoly poly_from_json(const json& j);

json matrix_to_json(const BandedUnitary& u);
json opuc_pairs_to_json(const std::vector<PolyPair>& pairs, const std::string& variant);
json conjugators_to_json(const Conjugators& c);
json evolve_to_json(const EvolveResult& r, int lo, int record_stride);
json moments_to_json(const Moments& m);
json states_to_json(const std::vector<GZState>& states);
json neighbor_table_to_json(const NeighborTable& t);
json equivalence_to_json(const EquivalenceReport& r);
json weyl_to_json(const WeylSample& w);
json rotation_report_to_json(const RotationReport& r);

// CSV emitters; headers are part of the stable format.
std::string states_to_csv(const std::vector<GZState>& states);        // n,re_f,im_f,re_g,im_g
std::string neighbor_table_to_csv(const NeighborTable& t);            // family,n,re_f,...
std::string matrix_to_csv(const BandedUnitary& u);                    // row,col,re,im
std::string moments_to_csv(const Moments& m);                         // k,re,im
std::string evolve_to_csv(const EvolveResult& r, int lo, int record_stride);
std::string opuc_pairs_to_csv(const std::vector<PolyPair>& pairs);    // n,kind,power,re,im

}  // namespace cmvkit
