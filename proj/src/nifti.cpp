// nifti.cpp - NIfTI-1 single-file I/O.
//
// Reads plain or gzip-compressed files in either byte order; writes
// little-endian with the affine in the sform. zlib's gz* layer is used for
// all reads since it passes uncompressed files through transparently.

#include "sciq/nifti.hpp"

#include <zlib.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <vector>

#ifdef _WIN32
#include <process.h>
#else
#include <unistd.h>
#endif

namespace sciq {

namespace {

// On-disk header, 348 bytes. Field offsets per the NIfTI-1 standard.
#pragma pack(push, 1)
struct Nifti1Header {
    std::int32_t sizeof_hdr;   //   0
    char data_type[10];        //   4
    char db_name[18];          //  14
    std::int32_t extents;      //  32
    std::int16_t session_error; //  36
    char regular;              //  38
    char dim_info;             //  39
    std::int16_t dim[8];       //  40
    float intent_p1;           //  56
    float intent_p2;           //  60
    float intent_p3;           //  64
    std::int16_t intent_code;  //  68
    std::int16_t datatype;     //  70
    std::int16_t bitpix;       //  72
    std::int16_t slice_start;  //  74
    float pixdim[8];           //  76
    float vox_offset;          // 108
    float scl_slope;           // 112
    float scl_inter;           // 116
    std::int16_t slice_end;    // 120
    char slice_code;           // 122
    char xyzt_units;           // 123
    float cal_max;             // 124
    float cal_min;             // 128
    float slice_duration;      // 132
    float toffset;             // 136
    std::int32_t glmax;        // 140
    std::int32_t glmin;        // 144
    char descrip[80];          // 148
    char aux_file[24];         // 228
    std::int16_t qform_code;   // 252
    std::int16_t sform_code;   // 254
    float quatern_b;           // 256
    float quatern_c;           // 260
    float quatern_d;           // 264
    float qoffset_x;           // 268
    float qoffset_y;           // 272
    float qoffset_z;           // 276
    float srow_x[4];           // 280
    float srow_y[4];           // 296
    float srow_z[4];           // 312
    char intent_name[16];      // 328
    char magic[4];             // 344
};
#pragma pack(pop)
static_assert(sizeof(Nifti1Header) == 348, "NIfTI-1 header must be 348 bytes");

enum NiftiDatatype : std::int16_t {
    DT_UINT8 = 2,
    DT_INT16 = 4,
    DT_INT32 = 8,
    DT_FLOAT32 = 16,
    DT_FLOAT64 = 64,
};

template <typename T>
T byteswap(T v) {
    unsigned char b[sizeof(T)];
    std::memcpy(b, &v, sizeof(T));
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i)
        std::swap(b[i], b[sizeof(T) - 1 - i]);
    std::memcpy(&v, b, sizeof(T));
    return v;
}

void swap_header(Nifti1Header& h) {
    h.sizeof_hdr = byteswap(h.sizeof_hdr);
    h.extents = byteswap(h.extents);
    h.session_error = byteswap(h.session_error);
    for (auto& d : h.dim)
        d = byteswap(d);
    h.intent_p1 = byteswap(h.intent_p1);
    h.intent_p2 = byteswap(h.intent_p2);
    h.intent_p3 = byteswap(h.intent_p3);
    h.intent_code = byteswap(h.intent_code);
    h.datatype = byteswap(h.datatype);
    h.bitpix = byteswap(h.bitpix);
    h.slice_start = byteswap(h.slice_start);
    for (auto& p : h.pixdim)
        p = byteswap(p);
    h.vox_offset = byteswap(h.vox_offset);
    h.scl_slope = byteswap(h.scl_slope);
    h.scl_inter = byteswap(h.scl_inter);
    h.slice_end = byteswap(h.slice_end);
    h.cal_max = byteswap(h.cal_max);
    h.cal_min = byteswap(h.cal_min);
    h.slice_duration = byteswap(h.slice_duration);
    h.toffset = byteswap(h.toffset);
    h.glmax = byteswap(h.glmax);
    h.glmin = byteswap(h.glmin);
    h.qform_code = byteswap(h.qform_code);
    h.sform_code = byteswap(h.sform_code);
    h.quatern_b = byteswap(h.quatern_b);
    h.quatern_c = byteswap(h.quatern_c);
    h.quatern_d = byteswap(h.quatern_d);
    h.qoffset_x = byteswap(h.qoffset_x);
    h.qoffset_y = byteswap(h.qoffset_y);
    h.qoffset_z = byteswap(h.qoffset_z);
    for (int i = 0; i < 4; ++i) {
        h.srow_x[i] = byteswap(h.srow_x[i]);
        h.srow_y[i] = byteswap(h.srow_y[i]);
        h.srow_z[i] = byteswap(h.srow_z[i]);
    }
}

class GzReader {
public:
    explicit GzReader(const std::string& path) : path_(path) {
        f_ = gzopen(path.c_str(), "rb");
        if (!f_)
            throw IOError("cannot open '" + path + "' for reading");
    }
    ~GzReader() {
        if (f_)
            gzclose(f_);
    }
    GzReader(const GzReader&) = delete;
    GzReader& operator=(const GzReader&) = delete;

    void read_exact(void* dst, std::size_t n) {
        auto* p = static_cast<unsigned char*>(dst);
        while (n > 0) {
            const unsigned chunk =
                static_cast<unsigned>(std::min<std::size_t>(n, 1u << 28));
            const int got = gzread(f_, p, chunk);
            if (got <= 0)
                throw FormatError("unexpected end of data in '" + path_ + "'");
            p += got;
            n -= static_cast<std::size_t>(got);
        }
    }
    void skip(std::size_t n) {
        std::vector<unsigned char> buf(std::min<std::size_t>(n, 65536));
        while (n > 0) {
            const std::size_t chunk = std::min(n, buf.size());
            read_exact(buf.data(), chunk);
            n -= chunk;
        }
    }

private:
    std::string path_;
    gzFile f_ = nullptr;
};

Affine4 affine_from_qform(const Nifti1Header& h) {
    const double b = h.quatern_b, c = h.quatern_c, d = h.quatern_d;
    double a2 = 1.0 - (b * b + c * c + d * d);
    const double a = a2 > 0.0 ? std::sqrt(a2) : 0.0;
    double R[3][3] = {
        {a * a + b * b - c * c - d * d, 2 * (b * c - a * d), 2 * (b * d + a * c)},
        {2 * (b * c + a * d), a * a + c * c - b * b - d * d, 2 * (c * d - a * b)},
        {2 * (b * d - a * c), 2 * (c * d + a * b), a * a + d * d - b * b - c * c}};
    const double qfac = h.pixdim[0] < 0.0f ? -1.0 : 1.0;
    Affine4 aff;
    aff.m[3][3] = 1.0;
    for (int r = 0; r < 3; ++r) {
        aff.m[r][0] = R[r][0] * std::abs(h.pixdim[1]);
        aff.m[r][1] = R[r][1] * std::abs(h.pixdim[2]);
        aff.m[r][2] = R[r][2] * std::abs(h.pixdim[3]) * qfac;
    }
    aff.m[0][3] = h.qoffset_x;
    aff.m[1][3] = h.qoffset_y;
    aff.m[2][3] = h.qoffset_z;
    return aff;
}

std::size_t dtype_size(std::int16_t code) {
    switch (code) {
    case DT_UINT8: return 1;
    case DT_INT16: return 2;
    case DT_INT32: return 4;
    case DT_FLOAT32: return 4;
    case DT_FLOAT64: return 8;
    default: return 0;
    }
}

std::string make_temp_path(const std::string& path) {
    return path + ".tmp" + std::to_string(static_cast<long>(::getpid()));
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

} // namespace

Volume3D read_nifti(const std::string& path) {
    if (!std::filesystem::exists(path))
        throw IOError("file not found: '" + path + "'");
    GzReader in(path);

    Nifti1Header h{};
    in.read_exact(&h, sizeof(h));

    const bool pair_magic = std::memcmp(h.magic, "ni1\0", 4) == 0;
    if (std::memcmp(h.magic, "n+1\0", 4) != 0 && !pair_magic)
        throw FormatError("'" + path + "' is not a NIfTI-1 file (bad magic)");
    bool swapped = false;
    if (h.sizeof_hdr != 348) {
        swapped = true;
        swap_header(h);
        if (h.sizeof_hdr != 348)
            throw FormatError("'" + path + "' has an invalid NIfTI-1 header size");
    }

    const int ndim = h.dim[0];
    if (ndim < 1 || ndim > 7)
        throw FormatError("'" + path + "' declares " + std::to_string(ndim) + " dimensions");
    Index3 dims{1, 1, 1};
    std::size_t nvox = 1;
    for (int i = 0; i < ndim; ++i) {
        int d = h.dim[i + 1];
        if (d < 0)
            d = -d;
        if (d == 0)
            d = 1;
        if (i < 3) {
            dims[static_cast<std::size_t>(i)] = d;
            nvox *= static_cast<std::size_t>(d);
        } else if (d != 1) {
            throw FormatError("'" + path + "' has a non-singleton trailing dimension (dim[" +
                              std::to_string(i + 1) + "] = " + std::to_string(d) +
                              "); only 3-D volumes are supported");
        }
    }

    const std::size_t elem = dtype_size(h.datatype);
    if (elem == 0)
        throw UnsupportedDtypeError("'" + path + "' uses unsupported NIfTI datatype code " +
                                    std::to_string(h.datatype));

    Triple header_spacing;
    for (int i = 0; i < 3; ++i) {
        double p = std::abs(static_cast<double>(h.pixdim[i + 1]));
        header_spacing[static_cast<std::size_t>(i)] = p > 0.0 ? p : 1.0;
    }

    Affine4 affine;
    Triple spacing;
    if (h.sform_code > 0) {
        affine.m[3][3] = 1.0;
        for (int c = 0; c < 4; ++c) {
            affine.m[0][c] = h.srow_x[c];
            affine.m[1][c] = h.srow_y[c];
            affine.m[2][c] = h.srow_z[c];
        }
        for (int c = 0; c < 3; ++c) {
            spacing[static_cast<std::size_t>(c)] = affine.column_norm(c);
            if (!(spacing[static_cast<std::size_t>(c)] > 0.0))
                throw FormatError("'" + path + "' has a degenerate sform matrix");
        }
    } else if (h.qform_code > 0) {
        affine = affine_from_qform(h);
        spacing = header_spacing;
    } else {
        affine = make_axis_aligned_affine("LPI", header_spacing); // identity direction
        spacing = header_spacing;
    }

    // Voxel data: same file at vox_offset for "n+1", companion .img for "ni1".
    std::vector<unsigned char> raw(nvox * elem);
    if (!pair_magic) {
        const auto off = static_cast<std::size_t>(h.vox_offset);
        if (off > sizeof(Nifti1Header))
            in.skip(off - sizeof(Nifti1Header));
        in.read_exact(raw.data(), raw.size());
    } else {
        std::string img = path;
        const std::string exts[] = {".hdr.gz", ".hdr", ".nii.gz", ".nii"};
        for (const auto& e : exts)
            if (ends_with(img, e)) {
                img = img.substr(0, img.size() - e.size()) + ".img";
                break;
            }
        if (!std::filesystem::exists(img) && std::filesystem::exists(img + ".gz"))
            img += ".gz";
        GzReader data_in(img);
        data_in.read_exact(raw.data(), raw.size());
    }

    const bool has_scaling =
        h.scl_slope != 0.0f && !(h.scl_slope == 1.0f && h.scl_inter == 0.0f);
    const float slope = has_scaling ? h.scl_slope : 1.0f;
    const float inter = has_scaling ? h.scl_inter : 0.0f;

    std::vector<float> data(nvox);
    auto decode = [&](auto sample) {
        using T = decltype(sample);
        for (std::size_t i = 0; i < nvox; ++i) {
            T v;
            std::memcpy(&v, raw.data() + i * sizeof(T), sizeof(T));
            if (swapped)
                v = byteswap(v);
            data[i] = static_cast<float>(v) * slope + inter;
        }
    };
    Dtype hint = Dtype::float32;
    switch (h.datatype) {
    case DT_UINT8: decode(std::uint8_t{}); hint = Dtype::uint8; break;
    case DT_INT16: decode(std::int16_t{}); hint = Dtype::int16; break;
    case DT_INT32: decode(std::int32_t{}); hint = Dtype::int32; break;
    case DT_FLOAT32: decode(float{}); hint = Dtype::float32; break;
    case DT_FLOAT64: decode(double{}); hint = Dtype::float64; break;
    default: break;
    }
    if (has_scaling)
        hint = Dtype::float32;

    return Volume3D(dims, spacing, orientation_from_affine(affine), affine, std::move(data),
                    hint);
}

namespace {

bool representable_uint8(float v) {
    return v >= 0.0f && v <= 255.0f && v == static_cast<float>(static_cast<std::uint8_t>(v)) &&
           std::floor(v) == v;
}
bool representable_int16(float v) {
    return v >= -32768.0f && v <= 32767.0f && std::floor(v) == v;
}
bool representable_int32(float v) {
    return std::floor(v) == v && v >= -2147483648.0f && v < 2147483648.0f &&
           static_cast<float>(static_cast<std::int32_t>(v)) == v;
}

std::int16_t choose_write_dtype(const Volume3D& vol) {
    auto all_of = [&](auto pred) {
        for (float v : vol.data())
            if (!pred(v))
                return false;
        return true;
    };
    switch (vol.dtype()) {
    case Dtype::uint8:
        if (all_of(representable_uint8))
            return DT_UINT8;
        break;
    case Dtype::int16:
        if (all_of(representable_int16))
            return DT_INT16;
        break;
    case Dtype::int32:
        if (all_of(representable_int32))
            return DT_INT32;
        break;
    default:
        break;
    }
    return DT_FLOAT32;
}

} // namespace

void write_nifti(const Volume3D& vol, const std::string& path) {
    const std::int16_t dcode = choose_write_dtype(vol);
    const std::size_t elem = dtype_size(dcode);

    Nifti1Header h{};
    h.sizeof_hdr = 348;
    h.regular = 'r';
    h.dim[0] = 3;
    for (int i = 0; i < 3; ++i)
        h.dim[i + 1] = static_cast<std::int16_t>(vol.dims()[static_cast<std::size_t>(i)]);
    for (int i = 4; i < 8; ++i)
        h.dim[i] = 1;
    h.datatype = dcode;
    h.bitpix = static_cast<std::int16_t>(elem * 8);
    h.pixdim[0] = 1.0f;
    for (int i = 0; i < 3; ++i)
        h.pixdim[i + 1] = static_cast<float>(vol.spacing()[static_cast<std::size_t>(i)]);
    h.vox_offset = 352.0f;
    h.scl_slope = 1.0f;
    h.scl_inter = 0.0f;
    h.xyzt_units = 2; // NIFTI_UNITS_MM
    h.qform_code = 0;
    h.sform_code = 1; // scanner anatomical
    for (int c = 0; c < 4; ++c) {
        h.srow_x[c] = static_cast<float>(vol.affine()(0, c));
        h.srow_y[c] = static_cast<float>(vol.affine()(1, c));
        h.srow_z[c] = static_cast<float>(vol.affine()(2, c));
    }
    std::snprintf(h.descrip, sizeof(h.descrip), "sciquant");
    std::memcpy(h.magic, "n+1\0", 4);

    if constexpr (std::endian::native == std::endian::big)
        swap_header(h);

    const std::size_t nvox = vol.voxel_count();
    std::vector<unsigned char> raw(nvox * elem);
    auto encode = [&](auto sample) {
        using T = decltype(sample);
        for (std::size_t i = 0; i < nvox; ++i) {
            T v = static_cast<T>(vol.data()[i]);
            if constexpr (std::endian::native == std::endian::big)
                v = byteswap(v);
            std::memcpy(raw.data() + i * sizeof(T), &v, sizeof(T));
        }
    };
    switch (dcode) {
    case DT_UINT8: encode(std::uint8_t{}); break;
    case DT_INT16: encode(std::int16_t{}); break;
    case DT_INT32: encode(std::int32_t{}); break;
    default: encode(float{}); break;
    }

    const char ext_flag[4] = {0, 0, 0, 0};
    const std::string tmp = make_temp_path(path);
    const bool gz = ends_with(path, ".gz");
    bool ok = false;
    if (gz) {
        gzFile f = gzopen(tmp.c_str(), "wb");
        if (!f)
            throw IOError("cannot open '" + path + "' for writing");
        ok = gzwrite(f, &h, sizeof(h)) == static_cast<int>(sizeof(h)) &&
             gzwrite(f, ext_flag, 4) == 4 &&
             (raw.empty() ||
              gzwrite(f, raw.data(), static_cast<unsigned>(raw.size())) ==
                  static_cast<int>(raw.size()));
        ok = gzclose(f) == Z_OK && ok;
    } else {
        std::ofstream f(tmp, std::ios::binary);
        if (!f)
            throw IOError("cannot open '" + path + "' for writing");
        f.write(reinterpret_cast<const char*>(&h), sizeof(h));
        f.write(ext_flag, 4);
        f.write(reinterpret_cast<const char*>(raw.data()),
                static_cast<std::streamsize>(raw.size()));
        f.close();
        ok = f.good();
    }
    if (!ok) {
        std::error_code ec;
        std::filesystem::remove(tmp, ec);
        throw IOError("failed writing '" + path + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw IOError("failed to move temp file into place for '" + path + "'");
    }
}

} // namespace sciq
