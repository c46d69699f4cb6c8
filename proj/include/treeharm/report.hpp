#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace treeharm {

/// One experiment observation. Absent parameters serialize as empty CSV
/// cells / JSON nulls; rows carrying an assertion populate bound, tol, pass.
struct ResultRow {
    std::string suite;
    int q = 0;
    std::optional<double> z_re;
    std::optional<double> z_im;
    std::optional<double> p;
    std::optional<double> r;
    std::optional<int> n;
    std::optional<std::uint64_t> seed;
    std::string metric;
    double value = 0.0;
    std::optional<double> bound;
    std::optional<double> tol;
    std::optional<bool> pass;
};

/// Total order over every serialized field; absent sorts before present.
/// Writers sort a copy first so output is byte-stable.
void sort_rows(std::vector<ResultRow>& rows);

/// CSV with header suite,q,z_re,z_im,p,r,n,seed,metric,value,bound,tol,pass.
/// Numbers use "%.17g"; pass is 1/0.
std::string to_csv(std::vector<ResultRow> rows);

/// JSON array of row objects, same fields, null for absent.
std::string to_json(std::vector<ResultRow> rows);

/// True when no row has pass = false.
bool all_passed(const std::vector<ResultRow>& rows);

/// format is "csv" or "json"; empty path writes nothing.
void write_rows(const std::vector<ResultRow>& rows, const std::string& path,
                const std::string& format);

} // namespace treeharm
