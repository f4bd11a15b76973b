#include "ttspec/report_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ttspec/errors.hpp"

namespace ttspec {

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

nlohmann::json complex_pair(const cplx& z) {
    return nlohmann::json::array({z.real(), z.imag()});
}

} // namespace

nlohmann::json report_to_json(const SpectrumReport& r) {
    nlohmann::json j;
    j["n"] = r.n;
    j["A"] = r.a_n;
    j["B"] = r.b_n;
    j["S_roots"] = nlohmann::json::array({complex_pair(r.s_roots[0]), complex_pair(r.s_roots[1])});
    nlohmann::json eigs = nlohmann::json::array();
    for (const cplx& z : r.eigenvalues) eigs.push_back(complex_pair(z));
    j["eigenvalues"] = eigs;
    j["classification"] = to_string(r.classification);
    j["min_unit_circle_distance"] = r.min_unit_circle_distance;
    nlohmann::json res;
    res["coeff_rel"] = r.oracle_residuals.coeff_rel;
    res["dense_performed"] = r.oracle_residuals.dense_performed;
    res["dense_chordal"] = r.oracle_residuals.dense_chordal;
    res["dense_tol"] = r.oracle_residuals.dense_tol;
    res["notes"] = r.oracle_residuals.notes;
    j["oracle_residuals"] = res;
    return j;
}

std::string asymptotics_table_csv(const AsymptoticsTable& t) {
    std::ostringstream os;
    os << "n,x1,x2,x1_model,x2_model,ratio1,ratio2,classification\n";
    for (const AsymptoticsRow& r : t.rows) {
        os << r.n << ',' << format_double(r.x1) << ',' << format_double(r.x2) << ','
           << format_double(r.x1_model) << ',' << format_double(r.x2_model) << ','
           << format_double(r.ratio1) << ',' << format_double(r.ratio2) << ','
           << to_string(r.classification) << '\n';
    }
    return os.str();
}

nlohmann::json return_record_to_json(const ReturnRecord& rec) {
    nlohmann::json j;
    j["n"] = rec.n;
    j["entry"] = {rec.entry_point.phi, rec.entry_point.s, rec.entry_point.rho,
                  rec.entry_point.u};
    j["exit"] = {rec.exit_point.phi, rec.exit_point.s, rec.exit_point.rho,
                 rec.exit_point.u};
    return j;
}

std::string itinerary_orbit_csv(const std::vector<ReturnRecord>& records) {
    std::ostringstream os;
    os << "step,phi,s,rho,u,n\n";
    int step = 0;
    for (const ReturnRecord& r : records) {
        os << step++ << ',' << format_double(r.entry_point.phi) << ','
           << format_double(r.entry_point.s) << ',' << format_double(r.entry_point.rho)
           << ',' << format_double(r.entry_point.u) << ',' << r.n << '\n';
    }
    return os.str();
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path dir = path.parent_path();
    if (dir.empty()) dir = ".";
    fs::path tmp = dir / (path.filename().string() + ".tmp");
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw Error("cannot open " + tmp.string() + " for writing");
        os << content;
        os.flush();
        if (!os) throw Error("write failed: " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp);
        throw Error("atomic rename to " + path.string() + " failed: " + ec.message());
    }
}

} // namespace ttspec
