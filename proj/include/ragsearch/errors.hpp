#pragma once

#include <stdexcept>
#include <string>

namespace ragsearch {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Caller-side ingestion bug: the same external id was added twice.
class DuplicateExternalId : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

// Corrupted or incompatible index file (bad magic, version or checksum).
class FormatError : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class UnknownDocument : public Error {
public:
    using Error::Error;
};

class MissingMetric : public Error {
public:
    using Error::Error;
};

// Query analysis produced zero terms; distinguishes "no results" from
// "unsearchable query".
class EmptyQuery : public Error {
public:
    using Error::Error;
};

class EmptyRelevantSet : public Error {
public:
    using Error::Error;
};

class MissingJudgment : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class EmptyDataset : public Error {
public:
    using Error::Error;
};

}  // namespace ragsearch
