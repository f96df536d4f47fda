#pragma once

#include <stdexcept>
#include <string>

namespace skyshare {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class GeometryError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class ClusteringError : public Error {
public:
    using Error::Error;
};

class SchedulingError : public Error {
public:
    using Error::Error;
};

class FeatureError : public Error {
public:
    using Error::Error;
};

class RadioMapError : public Error {
public:
    enum class Kind {
        empty_region,
        node_budget,
        out_of_region,
        wrong_altitude,
        integrity,
        version,
        io,
        mismatch,
    };

    RadioMapError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

}  // namespace skyshare
