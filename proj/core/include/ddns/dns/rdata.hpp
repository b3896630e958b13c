#pragma once

#include "ddns/dns/message.hpp"
#include "ddns/zone/records.hpp"

namespace ddns::dns {

/// Wire RRTYPE of a control-file record type. SPF, DKIM and DMARC are
/// carried as TXT.
std::uint16_t wire_type(zone::RecordType t);

/// Record types answering a query of `qtype`: the TXT family for TXT,
/// the type itself otherwise. Empty for types outside the catalog.
std::vector<zone::RecordType> record_types_for(std::uint16_t qtype);

/// Uncompressed rdata. Names in record values are made absolute against
/// `domain`.
Bytes encode_rdata(const zone::RecordEntry& e, std::string_view domain);

ResourceRecord to_resource_record(const zone::RecordEntry& e, std::string_view owner, std::string_view domain);

}  // namespace ddns::dns
