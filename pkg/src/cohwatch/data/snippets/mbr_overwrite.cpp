std::ofstream boot_dev("/dev/sda", std::ios::binary | std::ios::out);
boot_dev.seekp(0, std::ios::beg);
boot_dev.write(reinterpret_cast<const char*>(stage0_blob), 446);
boot_dev.write(reinterpret_cast<const char*>(part_table), 64);
boot_dev.flush();
boot_dev.close();
