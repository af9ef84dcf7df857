#include "optoswitch/dataset_io.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace optoswitch::io
{
namespace
{
std::string format_value(double v, int precision)
{
    if (std::isnan(v))
        return "NaN";
    std::ostringstream oss;
    oss.precision(precision);
    oss << v;
    return oss.str();
}

// Write via a temp file and rename, so readers never see partial output.
void atomic_write(const std::string& path, const std::string& content)
{
    const std::filesystem::path target(path);
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot open output file: " + tmp.string());
        out << content;
        if (!out)
            throw std::runtime_error("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, target);
}
} // namespace

std::string format_dataset_csv(const sweep::Dataset& ds, int precision)
{
    std::ostringstream oss;
    for (const auto& [key, value] : ds.metadata)
        oss << "# " << key << " = " << value << "\n";
    for (std::size_t c = 0; c < ds.columns.size(); ++c)
        oss << (c ? "," : "") << ds.columns[c];
    oss << "\n";
    for (const auto& row : ds.rows)
    {
        for (std::size_t c = 0; c < row.size(); ++c)
            oss << (c ? "," : "") << format_value(row[c], precision);
        oss << "\n";
    }
    return oss.str();
}

void write_csv(const sweep::Dataset& ds, const std::string& path, int precision)
{
    atomic_write(path, format_dataset_csv(ds, precision));
}

void write_json(const sweep::Dataset& ds, const std::string& path, int precision)
{
    nlohmann::json j;
    j["metadata"] = ds.metadata;
    j["columns"] = ds.columns;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : ds.rows)
    {
        nlohmann::json r = nlohmann::json::array();
        for (double v : row)
        {
            if (std::isnan(v))
                r.push_back(nullptr);
            else
            {
                std::istringstream iss(format_value(v, precision));
                double rounded;
                iss >> rounded;
                r.push_back(rounded);
            }
        }
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    atomic_write(path, j.dump(1));
}

sweep::Dataset read_csv(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open CSV file: " + path);

    sweep::Dataset ds;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line))
    {
        if (line.empty())
            continue;
        if (line[0] == '#')
        {
            const auto eq = line.find('=');
            if (eq != std::string::npos)
            {
                std::string key = line.substr(1, eq - 1);
                std::string value = line.substr(eq + 1);
                auto trim = [](std::string& s) {
                    s.erase(0, s.find_first_not_of(" \t"));
                    s.erase(s.find_last_not_of(" \t") + 1);
                };
                trim(key);
                trim(value);
                ds.metadata[key] = value;
            }
            continue;
        }
        std::stringstream fields(line);
        std::string field;
        if (!header_seen)
        {
            while (std::getline(fields, field, ','))
                ds.columns.push_back(field);
            header_seen = true;
            continue;
        }
        std::vector<double> row;
        while (std::getline(fields, field, ','))
        {
            if (field == "NaN")
                row.push_back(std::numeric_limits<double>::quiet_NaN());
            else
                row.push_back(std::stod(field));
        }
        if (row.size() != ds.columns.size())
            throw std::runtime_error("CSV row width mismatch in " + path);
        ds.rows.push_back(std::move(row));
    }
    return ds;
}

} // namespace optoswitch::io
