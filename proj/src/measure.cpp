#include "mbeq/measure.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mbeq/errors.hpp"

namespace mbeq {

Eigen::VectorXd DiscreteMeasure::density() const {
    Eigen::VectorXd d(masses.size());
    for (Eigen::Index k = 0; k < masses.size(); ++k)
        d[k] = masses[k] / grid.weights[std::size_t(k)];
    return d;
}

Eigen::VectorXd DiscreteMeasure::cdf() const {
    Eigen::VectorXd c(masses.size());
    double acc = 0.0;
    for (Eigen::Index k = 0; k < masses.size(); ++k) {
        acc += masses[k];
        c[k] = acc;
    }
    return c;
}

void DiscreteMeasure::validate() const {
    grid.validate();
    if (std::size_t(masses.size()) != grid.size())
        throw ConfigError("measure: masses size mismatch");
    for (Eigen::Index k = 0; k < masses.size(); ++k) {
        if (!std::isfinite(masses[k])) throw NumericalError("measure: non-finite mass");
        if (masses[k] < 0.0) throw ConfigError("measure: negative mass");
    }
}

DiscreteMeasure dirac(double x, double scale) {
    if (!(scale > 0.0)) throw ConfigError("dirac: bad scale");
    DiscreteMeasure m;
    m.atomic = true;
    m.grid.line = x < 0.0 ? HalfLine{1} : HalfLine{0};
    m.grid.truncation = std::abs(x) + scale;
    m.grid.nodes = {x};
    m.grid.weights = {scale};
    double lo = x - 0.5 * scale, hi = x + 0.5 * scale;
    if (!m.grid.line.is_negative() && lo < 0.0) { lo = 0.0; hi = scale; }
    if (m.grid.line.is_negative() && hi > 0.0) { hi = 0.0; lo = -scale; }
    if (x < lo || x > hi) { lo = std::min(lo, x); hi = std::max(hi, x); }
    m.grid.edges = {lo, hi};
    m.masses = Eigen::VectorXd::Ones(1);
    m.validate();
    return m;
}

DiscreteMeasure uniform_probability(const Grid& g) {
    g.validate();
    DiscreteMeasure m;
    m.grid = g;
    const double span = g.hi() - g.lo();
    m.masses = Eigen::VectorXd(g.size());
    for (std::size_t k = 0; k < g.size(); ++k)
        m.masses[Eigen::Index(k)] = g.weights[k] / span;
    return m;
}

DiscreteMeasure from_density(const Grid& g, const std::function<double(double)>& rho) {
    g.validate();
    // 4-point Gauss-Legendre per cell
    static const double xi[4] = {-0.8611363115940526, -0.3399810435848563,
                                 0.3399810435848563, 0.8611363115940526};
    static const double wi[4] = {0.34785484513745385, 0.6521451548625461,
                                 0.6521451548625461, 0.34785484513745385};
    DiscreteMeasure m;
    m.grid = g;
    m.masses = Eigen::VectorXd(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) {
        const double a = g.edges[k], b = g.edges[k + 1];
        const double c = 0.5 * (a + b), h = 0.5 * (b - a);
        double acc = 0.0;
        for (int i = 0; i < 4; ++i) acc += wi[i] * rho(c + h * xi[i]);
        const double mk = acc * h;
        if (!std::isfinite(mk)) throw NumericalError("from_density: non-finite cell mass");
        m.masses[Eigen::Index(k)] = std::max(0.0, mk);
    }
    return m;
}

DiscreteMeasure pushforward_power(const DiscreteMeasure& m, long q, bool forward) {
    m.validate();
    if (q < 1) throw ConfigError("pushforward_power: q must be >= 1");
    if (m.grid.line.is_negative() || m.grid.lo() < 0.0)
        throw ConfigError("pushforward_power: measure must live on [0,inf)");
    auto map = [&](double t) {
        return forward ? std::pow(t, 1.0 / double(q)) : std::pow(t, double(q));
    };
    DiscreteMeasure out = m;
    for (auto& e : out.grid.edges) e = map(e);
    for (std::size_t k = 0; k < out.grid.size(); ++k) {
        out.grid.nodes[k] = map(m.grid.nodes[k]);
        out.grid.weights[k] = out.grid.edges[k + 1] - out.grid.edges[k];
    }
    out.grid.truncation = map(m.grid.truncation);
    out.grid.validate();
    return out;
}

double cdf_distance(const DiscreteMeasure& a, const DiscreteMeasure& b) {
    const auto& xa = a.grid.nodes;
    const auto& xb = b.grid.nodes;
    std::size_t i = 0, j = 0;
    double ca = 0.0, cb = 0.0, sup = 0.0;
    while (i < xa.size() || j < xb.size()) {
        double x;
        if (j >= xb.size() || (i < xa.size() && xa[i] <= xb[j])) x = xa[i];
        else x = xb[j];
        while (i < xa.size() && xa[i] <= x) ca += a.masses[Eigen::Index(i)], ++i;
        while (j < xb.size() && xb[j] <= x) cb += b.masses[Eigen::Index(j)], ++j;
        sup = std::max(sup, std::abs(ca - cb));
    }
    return sup;
}

namespace {

std::string fmt_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw ConfigError("measure csv: bad number '" + s + "'");
    return v;
}

} // namespace

std::string to_csv(const DiscreteMeasure& m) {
    std::string out = "# mbeq-measure v1 parity=" + std::to_string(m.grid.line.parity) +
                      " map=" + (m.grid.map_kind == MapKind::Identity ? std::string("identity") : std::string("compactified")) +
                      " R=" + fmt_double(m.grid.truncation) +
                      " atomic=" + std::to_string(m.atomic ? 1 : 0) + "\n";
    out += "node,weight,mass\n";
    for (std::size_t k = 0; k < m.size(); ++k) {
        out += fmt_double(m.grid.nodes[k]);
        out += ',';
        out += fmt_double(m.grid.weights[k]);
        out += ',';
        out += fmt_double(m.masses[Eigen::Index(k)]);
        out += '\n';
    }
    return out;
}

DiscreteMeasure measure_from_csv_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line.rfind("# mbeq-measure v1", 0) != 0)
        throw ConfigError("measure csv: missing schema header");
    int parity = -1, atomic = 0;
    MapKind mk = MapKind::Identity;
    double R = 0.0;
    {
        std::istringstream hdr(line.substr(2));
        std::string tok;
        while (hdr >> tok) {
            auto eq = tok.find('=');
            if (eq == std::string::npos) continue;
            const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
            if (key == "parity") parity = std::stoi(val);
            else if (key == "map") mk = (val == "compactified") ? MapKind::Compactified : MapKind::Identity;
            else if (key == "R") R = parse_double(val);
            else if (key == "atomic") atomic = std::stoi(val);
        }
    }
    if (parity != 0 && parity != 1) throw ConfigError("measure csv: bad or missing parity");
    if (!std::getline(in, line) || line != "node,weight,mass")
        throw ConfigError("measure csv: missing column header");
    std::vector<double> nodes, weights, masses;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string a, b, c;
        if (!std::getline(row, a, ',') || !std::getline(row, b, ',') || !std::getline(row, c))
            throw ConfigError("measure csv: malformed row '" + line + "'");
        nodes.push_back(parse_double(a));
        weights.push_back(parse_double(b));
        masses.push_back(parse_double(c));
    }
    DiscreteMeasure m;
    m.grid = grid_from_nodes(HalfLine{parity}, mk, R, std::move(nodes), std::move(weights));
    m.atomic = atomic != 0;
    m.masses = Eigen::Map<Eigen::VectorXd>(masses.data(), Eigen::Index(masses.size()));
    m.validate();
    return m;
}

void write_csv(const DiscreteMeasure& m, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("write_csv: cannot open " + path);
    f << to_csv(m);
}

DiscreteMeasure read_csv(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("read_csv: cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return measure_from_csv_text(ss.str());
}

} // namespace mbeq
