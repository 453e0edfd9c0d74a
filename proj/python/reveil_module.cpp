#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>
#include <string>

#include "reveil/avatar.hpp"
#include "reveil/bmp.hpp"
#include "reveil/crc32.hpp"
#include "reveil/error.hpp"
#include "reveil/masking.hpp"
#include "reveil/pipeline.hpp"
#include "reveil/pose_file.hpp"
#include "reveil/skeleton.hpp"
#include "reveil/stego.hpp"

#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)

namespace py = pybind11;
using namespace reveil;

namespace {

using U8Array = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;

ImageBuffer to_image(const U8Array& arr) {
  if (arr.ndim() != 3 || arr.shape(2) != 3) {
    throw Error(Errc::InvalidArgument, "expected a (height, width, 3) uint8 array");
  }
  const auto h = static_cast<int>(arr.shape(0));
  const auto w = static_cast<int>(arr.shape(1));
  ImageBuffer img(w, h);
  static_assert(sizeof(Rgb) == 3);
  std::memcpy(img.pixels().data(), arr.data(), img.pixel_count() * 3);
  return img;
}

U8Array to_array(const ImageBuffer& img) {
  U8Array arr({static_cast<py::ssize_t>(img.height()), static_cast<py::ssize_t>(img.width()),
               py::ssize_t{3}});
  std::memcpy(arr.mutable_data(), img.pixels().data(), img.pixel_count() * 3);
  return arr;
}

Rect to_rect(const py::tuple& t) {
  if (t.size() != 4) throw Error(Errc::InvalidArgument, "rect must be (x, y, w, h)");
  return Rect{t[0].cast<int>(), t[1].cast<int>(), t[2].cast<int>(), t[3].cast<int>()};
}

py::tuple from_rect(const Rect& r) { return py::make_tuple(r.x, r.y, r.w, r.h); }

py::dict header_dict(const stego::StegoHeader& h) {
  py::dict d;
  d["version"] = h.version;
  d["k"] = h.k.value();
  d["roi"] = from_rect(h.roi);
  d["crc"] = h.crc;
  return d;
}

py::dict report_dict(const pipeline::FrameReport& r) {
  py::dict d;
  d["frame"] = r.frame;
  d["roi"] = from_rect(r.roi);
  d["k"] = r.k;
  d["psnr_db"] = r.psnr_db;
  d["crc"] = r.crc;
  d["ms_mask"] = r.ms_mask;
  d["ms_render"] = r.ms_render;
  d["ms_embed"] = r.ms_embed;
  return d;
}

skeleton::JointId joint_by_name(const std::string& name) {
  const auto id = skeleton::joint_from_name(name);
  if (!id) throw Error(Errc::UnknownJointName, name);
  return *id;
}

}  // namespace

PYBIND11_MODULE(_reveil, m) {
  m.doc() = "Reversible de-identification: LSB steganography, skeleton-driven avatars, BMP I/O";

  py::register_exception<Error>(m, "ReveilError");

  py::class_<skeleton::CameraIntrinsics>(m, "CameraIntrinsics")
      .def(py::init<>())
      .def(py::init([](double fx, double fy, double cx, double cy) {
             skeleton::CameraIntrinsics c{fx, fy, cx, cy};
             c.validate();
             return c;
           }),
           py::arg("fx"), py::arg("fy"), py::arg("cx"), py::arg("cy"))
      .def_readwrite("fx", &skeleton::CameraIntrinsics::fx)
      .def_readwrite("fy", &skeleton::CameraIntrinsics::fy)
      .def_readwrite("cx", &skeleton::CameraIntrinsics::cx)
      .def_readwrite("cy", &skeleton::CameraIntrinsics::cy)
      .def("__repr__", [](const skeleton::CameraIntrinsics& c) {
        return "CameraIntrinsics(fx=" + std::to_string(c.fx) + ", fy=" + std::to_string(c.fy) +
               ", cx=" + std::to_string(c.cx) + ", cy=" + std::to_string(c.cy) + ")";
      });

  py::class_<skeleton::SkeletonPose>(m, "SkeletonPose")
      .def(py::init<>())
      .def("position",
           [](const skeleton::SkeletonPose& p, const std::string& name) {
             const auto& q = p[joint_by_name(name)].position;
             return py::make_tuple(q.x(), q.y(), q.z());
           })
      .def("set_position",
           [](skeleton::SkeletonPose& p, const std::string& name, double x, double y, double z) {
             p[joint_by_name(name)].position = skeleton::Vec3(x, y, z);
           })
      .def("state",
           [](const skeleton::SkeletonPose& p, const std::string& name) {
             return std::string(skeleton::name(p[joint_by_name(name)].state));
           })
      .def("translated", [](skeleton::SkeletonPose p, double x, double y, double z) {
        for (auto& j : p.joints) j.position += skeleton::Vec3(x, y, z);
        return p;
      });

  m.def("joint_names", [] {
    std::vector<std::string> names;
    for (int i = 0; i < skeleton::kJointCount; ++i) {
      names.emplace_back(skeleton::name(skeleton::joint_at(i)));
    }
    return names;
  });

  m.def("decode_bmp", [](const py::bytes& data) {
    const std::string s = data;
    return to_array(bmp::decode(
        {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()}));
  });
  m.def("encode_bmp", [](const U8Array& img) {
    const auto bytes = bmp::encode(to_image(img));
    return py::bytes(reinterpret_cast<const char*>(bytes.data()), bytes.size());
  });
  m.def("psnr", [](const U8Array& a, const U8Array& b) { return psnr(to_image(a), to_image(b)); },
        "PSNR in dB; math.inf for identical images.");

  m.def("combine_channel", [](std::uint8_t c, std::uint8_t s, int k) {
    return stego::combine_channel(c, s, stego::BitDepth(k));
  });
  m.def("recover_secret_channel", [](std::uint8_t v, int k) {
    return stego::recover_secret_channel(v, stego::BitDepth(k));
  });
  m.def("recover_carrier_channel", [](std::uint8_t v, int k) {
    return stego::recover_carrier_channel(v, stego::BitDepth(k));
  });
  m.def("crc32", [](const py::bytes& data) {
    const std::string s = data;
    return crc32(std::string_view(s));
  });

  m.def("embed",
        [](const U8Array& carrier, const U8Array& secret, const py::tuple& roi, int k) {
          return to_array(
              stego::embed(to_image(carrier), to_image(secret), to_rect(roi), stego::BitDepth(k)));
        },
        py::arg("carrier"), py::arg("secret"), py::arg("roi"), py::arg("k") = 4);
  m.def("extract", [](const U8Array& img) {
    auto ex = stego::extract(to_image(img));
    py::dict d;
    d["header"] = header_dict(ex.header);
    d["secret"] = to_array(ex.secret);
    d["carrier"] = to_array(ex.carrier);
    return d;
  });

  m.def("pixelize", [](const U8Array& img, const py::tuple& r, int block) {
    return to_array(masking::pixelize(to_image(img), to_rect(r), block));
  });
  m.def("box_blur", [](const U8Array& img, const py::tuple& r, int radius, int passes) {
    return to_array(masking::box_blur(to_image(img), to_rect(r), radius, passes));
  });

  m.def("parse_pose", [](const std::string& text) {
    auto pf = skeleton::parse_pose(text);
    return py::make_tuple(pf.pose, pf.camera);
  });
  m.def("serialize_pose", &skeleton::serialize_pose);
  m.def("synth_pose", [](double t) { return skeleton::synth_pose(t); }, py::arg("t"));
  m.def("project", [](const skeleton::SkeletonPose& pose, const skeleton::CameraIntrinsics& cam) {
    py::list out;
    for (const auto& j : skeleton::project(pose, cam)) out.append(py::make_tuple(j.u, j.v, j.depth));
    return out;
  });
  m.def("bounding_rect", [](const skeleton::SkeletonPose& pose,
                            const skeleton::CameraIntrinsics& cam, int padding, int width,
                            int height) {
    return from_rect(skeleton::bounding_rect(skeleton::project(pose, cam), padding, width, height));
  });

  m.def("render_avatar",
        [](const U8Array& frame, const skeleton::SkeletonPose& pose,
           const skeleton::CameraIntrinsics& cam) {
          return to_array(avatar::render_avatar(to_image(frame), pose, cam));
        });
  m.def("synth_frame",
        [](const skeleton::SkeletonPose& pose, const skeleton::CameraIntrinsics& cam, int width,
           int height) { return to_array(pipeline::synth_frame(pose, cam, width, height)); },
        py::arg("pose"), py::arg("cam"), py::arg("width") = 640, py::arg("height") = 480);

  m.def("deidentify_frame",
        [](const U8Array& frame, const skeleton::SkeletonPose& pose,
           const skeleton::CameraIntrinsics& cam, int k, int padding, int block, int blur_radius,
           int blur_passes) {
          pipeline::PipelineConfig cfg;
          cfg.k = stego::BitDepth(k);
          cfg.padding = padding;
          cfg.mask = masking::MaskConfig{block, blur_radius, blur_passes};
          auto [out, report] = pipeline::deidentify_frame(to_image(frame), pose, cam, cfg);
          return py::make_tuple(to_array(out), report_dict(report));
        },
        py::arg("frame"), py::arg("pose"), py::arg("cam"), py::arg("k") = 4,
        py::arg("padding") = 24, py::arg("block") = 8, py::arg("blur_radius") = 2,
        py::arg("blur_passes") = 1);
  m.def("reidentify_frame", [](const U8Array& frame) {
    auto [restored, header] = pipeline::reidentify_frame(to_image(frame));
    return py::make_tuple(to_array(restored), header_dict(header));
  });

#ifdef VERSION_INFO
  m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
  m.attr("__version__") = "dev";
#endif
}
