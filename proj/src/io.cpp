#include "enskog/io.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <vector>

#include "enskog/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "ENSK1 reader/writer assumes a little-endian host");

namespace enskog {
namespace {

constexpr char kMagic[5] = {'E', 'N', 'S', 'K', '1'};

class Writer {
public:
    explicit Writer(const std::string& path)
        : out_(path, std::ios::binary | std::ios::trunc) {
        if (!out_) throw FormatError("cannot open " + path + " for writing");
        path_ = path;
    }

    void bytes(const void* p, std::size_t n) {
        out_.write(static_cast<const char*>(p),
                   static_cast<std::streamsize>(n));
    }
    void u8(std::uint8_t v) { bytes(&v, 1); }
    void u16(std::uint16_t v) { bytes(&v, 2); }
    void u32(std::uint32_t v) { bytes(&v, 4); }
    void u64(std::uint64_t v) { bytes(&v, 8); }
    void f64(double v) { bytes(&v, 8); }
    void vec3(const Vec3& v) {
        f64(v.x);
        f64(v.y);
        f64(v.z);
    }

    void close() {
        out_.close();
        if (!out_) throw FormatError("write to " + path_ + " failed");
    }

private:
    std::ofstream out_;
    std::string path_;
};

class Reader {
public:
    explicit Reader(const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw FormatError("cannot open " + path);
        in.seekg(0, std::ios::end);
        auto size = in.tellg();
        in.seekg(0, std::ios::beg);
        data_.resize(static_cast<std::size_t>(size));
        in.read(data_.data(), size);
        if (!in) throw FormatError("cannot read " + path);
    }

    void bytes(void* p, std::size_t n) {
        if (pos_ + n > data_.size()) throw FormatError("truncated ENSK1 file");
        std::memcpy(p, data_.data() + pos_, n);
        pos_ += n;
    }
    std::uint8_t u8() { return take<std::uint8_t>(); }
    std::uint16_t u16() { return take<std::uint16_t>(); }
    std::uint32_t u32() { return take<std::uint32_t>(); }
    std::uint64_t u64() { return take<std::uint64_t>(); }
    double f64() { return take<double>(); }
    Vec3 vec3() {
        Vec3 v;
        v.x = f64();
        v.y = f64();
        v.z = f64();
        return v;
    }
    bool at_end() const { return pos_ == data_.size(); }

private:
    template <typename T>
    T take() {
        T v;
        bytes(&v, sizeof(T));
        return v;
    }

    std::vector<char> data_;
    std::size_t pos_ = 0;
};

}  // namespace

void write_ensemble(const Ensemble& e, const std::string& path) {
    e.validate();
    Writer w(path);
    w.bytes(kMagic, sizeof(kMagic));
    w.u8(e.kind == EnsembleKind::states_at_time ? 0 : 1);
    w.u16(0);
    w.u64(e.size());
    w.f64(e.time_horizon);
    w.u32(static_cast<std::uint32_t>(e.seed_lineage.size()));
    for (std::uint64_t id : e.seed_lineage) w.u64(id);
    if (e.kind == EnsembleKind::states_at_time) {
        for (const auto& s : e.states) {
            w.vec3(s.position);
            w.vec3(s.velocity);
            w.f64(s.last_event_time);
        }
    } else {
        for (const auto& p : e.paths) {
            w.vec3(p.initial().position);
            w.vec3(p.initial().velocity);
            w.u64(p.event_count());
            for (const auto& ev : p.events()) {
                w.f64(ev.time);
                w.vec3(ev.new_velocity);
            }
        }
    }
    w.close();
}

Ensemble read_ensemble(const std::string& path) {
    Reader r(path);
    char magic[5];
    r.bytes(magic, sizeof(magic));
    if (std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
        throw FormatError(path + " is not an ENSK1 file");
    }
    std::uint8_t kind = r.u8();
    if (kind > 1) throw FormatError("unknown ensemble kind in " + path);
    r.u16();
    std::uint64_t count = r.u64();
    Ensemble e;
    e.kind = kind == 0 ? EnsembleKind::states_at_time : EnsembleKind::frozen_paths;
    e.time_horizon = r.f64();
    std::uint32_t lineage = r.u32();
    e.seed_lineage.reserve(lineage);
    for (std::uint32_t i = 0; i < lineage; ++i) e.seed_lineage.push_back(r.u64());
    if (e.kind == EnsembleKind::states_at_time) {
        e.states.reserve(count);
        for (std::uint64_t i = 0; i < count; ++i) {
            ParticleState s;
            s.position = r.vec3();
            s.velocity = r.vec3();
            s.last_event_time = r.f64();
            e.states.push_back(s);
        }
    } else {
        e.paths.reserve(count);
        for (std::uint64_t i = 0; i < count; ++i) {
            ParticleState init;
            init.position = r.vec3();
            init.velocity = r.vec3();
            ParticlePath p(init);
            std::uint64_t events = r.u64();
            double prev = 0.0;
            for (std::uint64_t k = 0; k < events; ++k) {
                double time = r.f64();
                Vec3 vel = r.vec3();
                if (!(time > prev)) {
                    throw FormatError("non-increasing event times in " + path);
                }
                prev = time;
                p.add_event(time, vel);
            }
            e.paths.push_back(std::move(p));
        }
    }
    if (!r.at_end()) throw FormatError("trailing bytes in " + path);
    e.validate();
    return e;
}

void write_events_csv(const std::vector<JumpEvent>& events,
                      const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (f == nullptr) throw FormatError("cannot open " + path + " for writing");
    std::fputs("time,particle,accepted,delta_v_norm\n", f);
    for (const auto& ev : events) {
        std::fprintf(f, "%.17g,%zu,%d,%.17g\n", ev.time, ev.particle_index,
                     ev.accepted ? 1 : 0, norm(ev.delta_v));
    }
    if (std::fclose(f) != 0) throw FormatError("write to " + path + " failed");
}

}  // namespace enskog
