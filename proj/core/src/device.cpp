#include "powerlife/device.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace powerlife {

namespace {

void check_curve(const Curve& curve) {
    if (curve.size() < 2) throw std::invalid_argument("curve needs at least 2 points");
    for (std::size_t i = 0; i < curve.size(); ++i) {
        if (!std::isfinite(curve[i].current) || !std::isfinite(curve[i].value))
            throw std::invalid_argument("curve contains non-finite values");
        if (i > 0 && curve[i].current <= curve[i - 1].current)
            throw std::invalid_argument("curve currents must be strictly increasing");
    }
}

}  // namespace

AffineFit fit_affine(const Curve& curve) {
    check_curve(curve);
    double n = static_cast<double>(curve.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& p : curve) {
        sx += p.current;
        sy += p.value;
        sxx += p.current * p.current;
        sxy += p.current * p.value;
    }
    double det = n * sxx - sx * sx;
    if (det <= 0.0) throw std::invalid_argument("fit_affine: singular system (all currents equal)");
    AffineFit fit;
    fit.slope = (n * sxy - sx * sy) / det;
    fit.intercept = (sy - fit.slope * sx) / n;
    return fit;
}

double interpolate_curve(const Curve& curve, double current) {
    check_curve(curve);
    std::size_t hi = 1;
    while (hi + 1 < curve.size() && curve[hi].current < current) ++hi;
    const auto& a = curve[hi - 1];
    const auto& b = curve[hi];
    double f = (current - a.current) / (b.current - a.current);
    return a.value + f * (b.value - a.value);
}

DeviceCharacteristics fit_device(const Curve& vi_igbt, const Curve& vi_diode, const Curve& e_sw,
                                 const Curve& e_rec, double I_star, double U_star, double I_rated) {
    if (!(I_star > 0.0) || !(U_star > 0.0) || !(I_rated > 0.0))
        throw std::invalid_argument("fit_device: reference conditions must be positive");

    AffineFit igbt = fit_affine(vi_igbt);
    AffineFit diode = fit_affine(vi_diode);

    DeviceCharacteristics dev;
    dev.U_CE = igbt.intercept;
    dev.r_CE = igbt.slope;
    dev.U_F = diode.intercept;
    dev.r_F = diode.slope;
    double e_total = interpolate_curve(e_sw, I_star);
    dev.E_on_ref = 0.5 * e_total;
    dev.E_off_ref = 0.5 * e_total;
    dev.E_rec_ref = interpolate_curve(e_rec, I_star);
    dev.I_star = I_star;
    dev.U_star = U_star;
    dev.I_rated = I_rated;
    if (!dev.valid())
        throw std::invalid_argument("fit_device: fitted characteristics out of range "
                                    "(thresholds, slopes and energies must be positive)");
    return dev;
}

Curve load_curve_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open curve file '" + path + "'");

    Curve curve;
    std::string line;
    std::size_t line_no = 0;
    bool header = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (header) {
            header = false;  // first line is the column header
            continue;
        }
        std::istringstream row(line);
        std::string f0, f1;
        if (!std::getline(row, f0, ',') || !std::getline(row, f1, ','))
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": expected 2 fields");
        try {
            curve.push_back({std::stod(f0), std::stod(f1)});
        } catch (const std::exception&) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": malformed number");
        }
    }
    check_curve(curve);
    return curve;
}

}  // namespace powerlife
