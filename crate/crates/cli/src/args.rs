/// Parse a count given as a decimal integer, hex (`0x...`) or a power of two
/// (`2^31`).
pub fn parse_count(s: &str) -> Result<u64, String> {
    let s = s.trim();
    if let Some(e) = s.strip_prefix("2^") {
        let e: u32 = e.parse().map_err(|_| format!("bad exponent in `{s}`"))?;
        return 1u64
            .checked_shl(e)
            .filter(|_| e < 64)
            .ok_or_else(|| format!("`{s}` overflows"));
    }
    if let Some(h) = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        return u64::from_str_radix(h, 16).map_err(|e| format!("`{s}`: {e}"));
    }
    s.replace('_', "")
        .parse()
        .map_err(|e| format!("`{s}`: {e}"))
}

/// A 32-bit word in any [`parse_count`] notation.
pub fn parse_word(s: &str) -> Result<u32, String> {
    let v = parse_count(s)?;
    u32::try_from(v).map_err(|_| format!("`{s}` does not fit in 32 bits"))
}
