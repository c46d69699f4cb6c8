#include "treeharm/report.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <tuple>

#include "json.hpp"

#include <algorithm>

namespace treeharm {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt_opt(const std::optional<double>& v) { return v ? fmt(*v) : ""; }

template <typename T>
std::pair<bool, T> key(const std::optional<T>& v) {
    return {v.has_value(), v.value_or(T{})};
}

auto row_key(const ResultRow& r) {
    return std::make_tuple(r.suite, r.q, key(r.z_re), key(r.z_im), key(r.p), key(r.r),
                           key(r.n), key(r.seed), r.metric, r.value, key(r.bound),
                           key(r.tol), key(r.pass));
}

} // namespace

void sort_rows(std::vector<ResultRow>& rows) {
    std::sort(rows.begin(), rows.end(),
              [](const ResultRow& a, const ResultRow& b) { return row_key(a) < row_key(b); });
}

std::string to_csv(std::vector<ResultRow> rows) {
    sort_rows(rows);
    std::string out = "suite,q,z_re,z_im,p,r,n,seed,metric,value,bound,tol,pass\n";
    for (const ResultRow& r : rows) {
        out += r.suite;
        out += ',';
        out += std::to_string(r.q);
        out += ',';
        out += fmt_opt(r.z_re);
        out += ',';
        out += fmt_opt(r.z_im);
        out += ',';
        out += fmt_opt(r.p);
        out += ',';
        out += fmt_opt(r.r);
        out += ',';
        out += r.n ? std::to_string(*r.n) : "";
        out += ',';
        out += r.seed ? std::to_string(*r.seed) : "";
        out += ',';
        out += r.metric;
        out += ',';
        out += fmt(r.value);
        out += ',';
        out += fmt_opt(r.bound);
        out += ',';
        out += fmt_opt(r.tol);
        out += ',';
        if (r.pass) out += *r.pass ? "1" : "0";
        out += '\n';
    }
    return out;
}

std::string to_json(std::vector<ResultRow> rows) {
    sort_rows(rows);
    nlohmann::json arr = nlohmann::json::array();
    for (const ResultRow& r : rows) {
        nlohmann::json o;
        o["suite"] = r.suite;
        o["q"] = r.q;
        o["z_re"] = r.z_re ? nlohmann::json(*r.z_re) : nlohmann::json();
        o["z_im"] = r.z_im ? nlohmann::json(*r.z_im) : nlohmann::json();
        o["p"] = r.p ? nlohmann::json(*r.p) : nlohmann::json();
        o["r"] = r.r ? nlohmann::json(*r.r) : nlohmann::json();
        o["n"] = r.n ? nlohmann::json(*r.n) : nlohmann::json();
        o["seed"] = r.seed ? nlohmann::json(*r.seed) : nlohmann::json();
        o["metric"] = r.metric;
        o["value"] = r.value;
        o["bound"] = r.bound ? nlohmann::json(*r.bound) : nlohmann::json();
        o["tol"] = r.tol ? nlohmann::json(*r.tol) : nlohmann::json();
        o["pass"] = r.pass ? nlohmann::json(*r.pass) : nlohmann::json();
        arr.push_back(std::move(o));
    }
    return arr.dump(2) + "\n";
}

bool all_passed(const std::vector<ResultRow>& rows) {
    for (const ResultRow& r : rows)
        if (r.pass && !*r.pass) return false;
    return true;
}

void write_rows(const std::vector<ResultRow>& rows, const std::string& path,
                const std::string& format) {
    if (path.empty()) return;
    std::string body;
    if (format == "csv")
        body = to_csv(rows);
    else if (format == "json")
        body = to_json(rows);
    else
        throw std::domain_error("write_rows: format must be csv or json");
    std::ofstream fh(path, std::ios::binary);
    if (!fh) throw std::runtime_error("write_rows: cannot open " + path);
    fh << body;
}

} // namespace treeharm
